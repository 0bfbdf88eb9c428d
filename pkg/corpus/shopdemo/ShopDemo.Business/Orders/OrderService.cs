using System;
using ShopDemo.Business.Common;
using ShopDemo.Business.Pricing;
using ShopDemo.Business.Validation;
using ShopDemo.Data;
using ShopDemo.Data.Entities;

namespace ShopDemo.Business.Orders
{
    public class OrderService : IOrderService
    {
        private OrderRepository repo;
        private AuditTrail audit;

        public OrderResult PlaceOrder(Order order)
        {
            bool ok = Validator.Require(order.Customer);
            decimal total = PriceMath.AddTax(order.Total);
            repo.Insert(order);
            audit.Record("order placed");
            var result = new OrderResult();
            return result;
        }

        public Order LookupOrder(int id)
        {
            var found = repo.FindById(id);
            audit.Record("order lookup");
            return found;
        }
    }

    public class OrderResult
    {
        public bool Accepted { get; set; }
        public string Message { get; set; }
    }
}
