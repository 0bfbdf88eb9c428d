using System;
using System.Collections.Generic;

namespace ShopDemo.Business.Pricing
{
    public class BulkPricer
    {
        public int Reprice(List<decimal> prices)
        {
            prices.ForEach(p => PriceMath.AddTax(p));
            return prices.Count;
        }
    }
}
