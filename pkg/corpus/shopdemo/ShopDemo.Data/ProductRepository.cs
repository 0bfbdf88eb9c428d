using System;
using ShopDemo.Data.Db;
using ShopDemo.Data.Entities;

namespace ShopDemo.Data
{
    public class ProductRepository
    {
        public Product FindById(int id)
        {
            SqlRunner.Scalar("select top 1 from products");
            return new Product();
        }

        public int GetCount()
        {
            return SqlRunner.Execute("select count(*) from products");
        }
    }
}
